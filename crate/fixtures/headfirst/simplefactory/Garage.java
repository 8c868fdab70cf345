package headfirst.simplefactory;

public class Garage {
    private final VehicleFactory factory;

    public Garage(VehicleFactory factory) {
        this.factory = factory;
    }

    public Vehicle order(String kind) {
        Vehicle vehicle = factory.createVehicle(kind);
        vehicle.service();
        return vehicle;
    }
}
