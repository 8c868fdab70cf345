package headfirst.duck;

public class MiniDuckSimulator {
    public static void main(String[] args) {
        MallardDuck mallard = new MallardDuck();
        mallard.performQuack();
        mallard.performFly();

        ModelDuck model = new ModelDuck();
        model.performFly();
    }
}
