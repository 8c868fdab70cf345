package headfirst.simplefactory;

public class VehicleFactory {
    public Vehicle createVehicle(String kind) {
        switch (kind) {
            case "car":
                return new Car();
            case "truck":
                return new Truck();
            default:
                return new Bike();
        }
    }
}
